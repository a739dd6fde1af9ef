import java.io.*;
import javax.swing.*;

public class MemoryCardReader {
    private HashTable variables = new HashTable();

    public MemoryCardReader() {
    }
}
