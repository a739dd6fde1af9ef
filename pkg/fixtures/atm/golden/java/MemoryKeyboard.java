import java.io.*;
import javax.swing.*;

public class MemoryKeyboard {
    private HashTable variables = new HashTable();

    public MemoryKeyboard() {
    }
}
