import java.io.*;
import javax.swing.*;

public class IOSystemKeyboard {
    private HashTable ioActions = new HashTable();

    public IOSystemKeyboard() {
    }
}
